// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "cubeslice/axes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "cubeslice/errors.hpp"

namespace cubeslice {

namespace {

void check_increasing(const std::string& name, const std::vector<double>& indices) {
  if (indices.empty())
    throw ValidationError("axis '" + name + "' has no indices");
  for (double v : indices)
    if (!std::isfinite(v))
      throw ValidationError("axis '" + name + "' has a non-finite index");
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (!(indices[i - 1] < indices[i]))
      throw ValidationError("axis '" + name + "' indices must be strictly increasing");
}

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2;
}

bool parse_fixed_int(std::string_view s, std::size_t pos, std::size_t len, long& out) {
  if (pos + len > s.size()) return false;
  out = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    char c = s[i];
    if (c < '0' || c > '9') return false;
    out = out * 10 + (c - '0');
  }
  return true;
}

int days_in_month(long year, long month) {
  static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return lengths[month - 1];
}

double wrap_into_period(double v, const Extent& period) {
  double span = period.high - period.low;
  double w = std::fmod(v - period.low, span);
  if (w < 0) w += span;
  return period.low + w;
}

// Binary-searched positions of indices in the closed interval [low, high].
void positions_in_range(const std::vector<double>& indices, double low, double high,
                        std::vector<std::size_t>& out) {
  auto first = std::lower_bound(indices.begin(), indices.end(), low);
  auto last = std::upper_bound(indices.begin(), indices.end(), high);
  for (auto it = first; it != last; ++it)
    out.push_back(static_cast<std::size_t>(it - indices.begin()));
}

}  // namespace

AxisSpec AxisSpec::ordered(std::string name, std::vector<double> indices,
                           bool timestamp_indices) {
  check_increasing(name, indices);
  AxisSpec a;
  a.name_ = std::move(name);
  a.kind_ = AxisKind::Ordered;
  a.numeric_ = std::move(indices);
  a.timestamps_ = timestamp_indices;
  return a;
}

AxisSpec AxisSpec::cyclic(std::string name, std::vector<double> indices, Extent period) {
  check_increasing(name, indices);
  if (!(period.low < period.high) || !std::isfinite(period.low) || !std::isfinite(period.high))
    throw ValidationError("axis '" + name + "' period must be a finite non-empty range");
  for (double v : indices)
    if (v < period.low || v >= period.high)
      throw ValidationError("axis '" + name + "' index " + std::to_string(v) +
                            " lies outside its period");
  AxisSpec a;
  a.name_ = std::move(name);
  a.kind_ = AxisKind::Cyclic;
  a.numeric_ = std::move(indices);
  a.period_ = period;
  return a;
}

AxisSpec AxisSpec::categorical(std::string name, std::vector<std::string> categories) {
  if (categories.empty())
    throw ValidationError("axis '" + name + "' has no indices");
  for (std::size_t i = 0; i < categories.size(); ++i)
    for (std::size_t j = i + 1; j < categories.size(); ++j)
      if (categories[i] == categories[j])
        throw ValidationError("axis '" + name + "' has duplicate index '" + categories[i] + "'");
  AxisSpec a;
  a.name_ = std::move(name);
  a.kind_ = AxisKind::Categorical;
  a.categories_ = std::move(categories);
  return a;
}

std::size_t AxisSpec::size() const {
  return kind_ == AxisKind::Categorical ? categories_.size() : numeric_.size();
}

const std::vector<double>& AxisSpec::numeric_indices() const {
  if (kind_ == AxisKind::Categorical)
    throw ValidationError("axis '" + name_ + "' is categorical and has no numeric indices");
  return numeric_;
}

const std::vector<std::string>& AxisSpec::categories() const {
  if (kind_ != AxisKind::Categorical)
    throw ValidationError("axis '" + name_ + "' is not categorical");
  return categories_;
}

const Extent& AxisSpec::period() const {
  if (kind_ != AxisKind::Cyclic)
    throw ValidationError("axis '" + name_ + "' is not cyclic");
  return period_;
}

std::optional<std::size_t> AxisSpec::category_pos(std::string_view value) const {
  const auto& cats = categories();
  auto it = std::find(cats.begin(), cats.end(), value);
  if (it == cats.end()) return std::nullopt;
  return static_cast<std::size_t>(it - cats.begin());
}

std::string AxisSpec::index_string(std::size_t pos) const {
  if (kind_ == AxisKind::Categorical) return categories_.at(pos);
  double v = numeric_.at(pos);
  if (timestamps_) return format_rfc3339(v);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_numeric(const AxisSpec& axis, double raw) {
  if (!axis.is_ordered())
    throw ValidationError("axis '" + axis.name() + "' is categorical; numeric conversion is unsupported");
  if (!std::isfinite(raw))
    throw ValidationError("axis '" + axis.name() + "': index value must be finite");
  return raw;
}

double to_numeric(const AxisSpec& axis, std::string_view raw) {
  if (!axis.is_ordered())
    throw ValidationError("axis '" + axis.name() + "' is categorical; numeric conversion is unsupported");
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec == std::errc() && ptr == raw.data() + raw.size()) return to_numeric(axis, value);
  if (auto ts = try_parse_rfc3339(raw)) return *ts;
  throw ValidationError("axis '" + axis.name() + "': cannot parse index '" + std::string(raw) +
                        "' as a number or RFC 3339 timestamp");
}

std::vector<Extent> remap_cyclic(const AxisSpec& axis, const Extent& ext) {
  const Extent& period = axis.period();  // rejects non-cyclic axes
  if (!(ext.low <= ext.high))
    throw ValidationError("axis '" + axis.name() + "': extent low must not exceed high");
  const double span = period.high - period.low;
  const double width = ext.high - ext.low;
  if (width >= span) return {Extent{period.low, period.high}};

  const double a = wrap_into_period(ext.low, period);
  const double b = a + width;
  if (b < period.high) return {Extent{a, b}};
  // Wraps past the top of the period; the tail re-enters at period.low.
  return {Extent{a, period.high}, Extent{period.low, period.low + (b - period.high)}};
}

std::vector<std::size_t> find_index_positions(const AxisSpec& axis, const Extent& ext) {
  if (!(ext.low <= ext.high))
    throw ValidationError("axis '" + axis.name() + "': extent low must not exceed high");
  const auto& indices = axis.numeric_indices();
  std::vector<std::size_t> out;
  if (axis.kind() == AxisKind::Cyclic) {
    for (const Extent& piece : remap_cyclic(axis, ext))
      positions_in_range(indices, piece.low, piece.high, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    positions_in_range(indices, ext.low, ext.high, out);
  }
  return out;
}

std::vector<double> find_indices(const AxisSpec& axis, const Extent& ext) {
  std::vector<double> out;
  for (std::size_t pos : find_index_positions(axis, ext))
    out.push_back(axis.numeric_indices()[pos]);
  return out;
}

std::vector<std::pair<std::size_t, double>> find_slice_points(const AxisSpec& axis,
                                                              const Extent& ext) {
  std::vector<std::pair<std::size_t, double>> out;
  if (axis.kind() != AxisKind::Cyclic) {
    for (std::size_t pos : find_index_positions(axis, ext))
      out.emplace_back(pos, axis.numeric_indices()[pos]);
    return out;
  }
  const Extent& period = axis.period();
  const double span = period.high - period.low;
  for (std::size_t pos : find_index_positions(axis, ext)) {
    // Shift the canonical index by whole periods until it lands in the
    // original extent; find_index_positions guarantees such a shift exists.
    double v = axis.numeric_indices()[pos];
    double k = std::ceil((ext.low - v) / span);
    out.emplace_back(pos, v + k * span);
  }
  return out;
}

std::vector<std::string> select_categorical(const AxisSpec& axis,
                                            const std::vector<std::string>& requested) {
  const auto& cats = axis.categories();  // rejects non-categorical axes
  std::vector<std::string> out;
  for (const auto& value : requested) {
    if (std::find(cats.begin(), cats.end(), value) == cats.end()) continue;
    if (std::find(out.begin(), out.end(), value) != out.end()) continue;
    out.push_back(value);
  }
  return out;
}

std::optional<double> try_parse_rfc3339(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SS followed by Z or a +HH:MM / -HH:MM offset.
  if (s.size() < 20) return std::nullopt;
  long year, month, day, hour, minute, second;
  if (!parse_fixed_int(s, 0, 4, year) || s[4] != '-' ||
      !parse_fixed_int(s, 5, 2, month) || s[7] != '-' ||
      !parse_fixed_int(s, 8, 2, day) || (s[10] != 'T' && s[10] != 't') ||
      !parse_fixed_int(s, 11, 2, hour) || s[13] != ':' ||
      !parse_fixed_int(s, 14, 2, minute) || s[16] != ':' ||
      !parse_fixed_int(s, 17, 2, second))
    return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month) ||
      hour > 23 || minute > 59 || second > 60)
    return std::nullopt;

  long offset_seconds = 0;
  std::size_t pos = 19;
  if (s[pos] == '.') return std::nullopt;  // sub-second axes are unsupported
  if (s[pos] == 'Z' || s[pos] == 'z') {
    pos += 1;
  } else if (s[pos] == '+' || s[pos] == '-') {
    long oh, om;
    if (!parse_fixed_int(s, pos + 1, 2, oh) || pos + 3 >= s.size() || s[pos + 3] != ':' ||
        !parse_fixed_int(s, pos + 4, 2, om) || oh > 23 || om > 59)
      return std::nullopt;
    offset_seconds = (oh * 3600 + om * 60) * (s[pos] == '+' ? 1 : -1);
    pos += 6;
  } else {
    return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;

  std::int64_t days = days_from_civil(year, static_cast<int>(month), static_cast<int>(day));
  return static_cast<double>(days * 86400 + hour * 3600 + minute * 60 + second -
                             offset_seconds);
}

double parse_rfc3339(std::string_view text) {
  if (auto v = try_parse_rfc3339(text)) return *v;
  throw ValidationError("cannot parse '" + std::string(text) +
                        "' as an RFC 3339 timestamp (second resolution, with zone)");
}

std::string format_rfc3339(double epoch_seconds) {
  if (!std::isfinite(epoch_seconds) || epoch_seconds != std::floor(epoch_seconds))
    throw ValidationError("timestamp value must be a finite whole number of seconds");
  auto total = static_cast<std::int64_t>(epoch_seconds);
  std::int64_t days = total / 86400;
  std::int64_t rem = total % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  std::int64_t year;
  unsigned month, day;
  civil_from_days(days, year, month, day);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<long long>(year), month, day,
                static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

}  // namespace cubeslice
