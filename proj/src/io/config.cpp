#include "fdrthresh/io/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fdrthresh/common.hpp"

namespace fdrthresh::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_real(const std::string& text, double& out) {
  if (text == "inf") {
    out = kInfinity;
    return true;
  }
  return parse_number(text, out) && std::isfinite(out);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) items.push_back(trim(item));
  return items;
}

void check_value(const KeySpec& spec, const std::string& value, const std::string& source) {
  const auto fail = [&](const std::string& expected) {
    throw ValidationError(source + ": key '" + spec.key + "' expects " + expected + ", got '" + value + "'");
  };
  switch (spec.type) {
    case ValueType::Real: {
      double v;
      if (!parse_real(value, v)) fail("a real number");
      break;
    }
    case ValueType::Integer: {
      long long v;
      if (!parse_number(value, v)) fail("an integer");
      break;
    }
    case ValueType::Unsigned: {
      std::uint64_t v;
      if (!parse_number(value, v)) fail("a nonnegative 64-bit integer");
      break;
    }
    case ValueType::Boolean:
      if (value != "true" && value != "false") fail("true or false");
      break;
    case ValueType::Text:
      break;
    case ValueType::Choice:
      if (std::find(spec.choices.begin(), spec.choices.end(), value) == spec.choices.end()) {
        std::string options;
        for (const auto& c : spec.choices) options += (options.empty() ? "" : "|") + c;
        fail("one of " + options);
      }
      break;
    case ValueType::RealList: {
      if (value.empty()) fail("a comma-separated list of reals");
      for (const auto& item : split_list(value)) {
        double v;
        if (!parse_real(item, v)) fail("a comma-separated list of reals");
      }
      break;
    }
  }
}

}  // namespace

Config::Config(std::vector<KeySpec> schema) : schema_(std::move(schema)) {
  for (const auto& s : schema_) {
    check_value(s, s.default_value, "schema default");
    values_[s.key] = s.default_value;
  }
}

const KeySpec& Config::spec(const std::string& key) const {
  const auto it = std::find_if(schema_.begin(), schema_.end(), [&](const KeySpec& s) { return s.key == key; });
  if (it == schema_.end()) throw ValidationError("unknown configuration key '" + key + "'");
  return *it;
}

void Config::set(const std::string& key, const std::string& value, const std::string& source) {
  const auto& s = spec(key);
  const std::string v = trim(value);
  check_value(s, v, source);
  values_[key] = v;
}

void Config::load_text(const std::string& text, const std::string& source) {
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    const std::string row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const std::string where = source + ":" + std::to_string(number);
    const auto eq = row.find('=');
    if (eq == std::string::npos) throw ValidationError(where + ": expected 'key = value'");
    const std::string key = trim(row.substr(0, eq));
    if (std::none_of(schema_.begin(), schema_.end(), [&](const KeySpec& s) { return s.key == key; })) {
      throw ValidationError(where + ": unknown configuration key '" + key + "'");
    }
    set(key, row.substr(eq + 1), where);
  }
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  load_text(buf.str(), path);
}

double Config::real(const std::string& key) const {
  spec(key);
  double v = 0.0;
  parse_real(values_.at(key), v);
  return v;
}

long long Config::integer(const std::string& key) const {
  spec(key);
  long long v = 0;
  parse_number(values_.at(key), v);
  return v;
}

std::uint64_t Config::unsigned_integer(const std::string& key) const {
  spec(key);
  std::uint64_t v = 0;
  parse_number(values_.at(key), v);
  return v;
}

bool Config::boolean(const std::string& key) const {
  spec(key);
  return values_.at(key) == "true";
}

const std::string& Config::text(const std::string& key) const {
  spec(key);
  return values_.at(key);
}

std::vector<double> Config::real_list(const std::string& key) const {
  spec(key);
  std::vector<double> out;
  for (const auto& item : split_list(values_.at(key))) {
    double v = 0.0;
    parse_real(item, v);
    out.push_back(v);
  }
  return out;
}

std::string Config::render() const {
  std::ostringstream os;
  for (const auto& s : schema_) os << s.key << " = " << values_.at(s.key) << "\n";
  return os.str();
}

std::vector<KeySpec> run_schema() {
  using V = ValueType;
  return {
      {"seed", V::Unsigned, "20240601", {}, "root seed of every random stream"},
      {"replicates", V::Integer, "200", {}, "Monte Carlo replicates"},
      {"input", V::Text, "", {}, "vector file for estimate"},
      {"prior", V::Text, "", {}, "prior file for risk-curve and fdr-curve"},
      {"noise_scale", V::Real, "1", {}, "known noise standard deviation"},
      {"estimator", V::Choice, "fdr", {"fdr", "fixed", "universal", "sample_mean"}, "estimator for estimate"},
      {"lambda", V::Real, "1", {}, "fixed threshold level"},
      {"family", V::Choice, "soft", {"soft", "hard", "firm", "interpolated"}, "threshold family"},
      {"kappa0", V::Real, "1.5", {}, "firm slope"},
      {"interp_weight", V::Real, "0.5", {}, "weight of firm in an interpolated rule"},
      {"allow_hard", V::Boolean, "false", {}, "permit the hard threshold"},
      {"alpha1", V::Real, "0.1", {}, "step-up level"},
      {"alpha2", V::Real, "0.1", {}, "step-down level"},
      {"alpha1p", V::Real, "0.2", {}, "population step-up level"},
      {"alpha2p", V::Real, "0.05", {}, "population step-down level"},
      {"delta1", V::Real, "0", {}, "lower inflation"},
      {"delta2", V::Real, "0", {}, "upper inflation"},
      {"interp", V::Real, "0", {}, "position of lambda-hat in [lower, upper]"},
      {"g1", V::Choice, "identity", {"identity", "log_shift"}, "lower-endpoint transform"},
      {"g1_c1", V::Real, "2", {}, "g1 constant c1"},
      {"g1_c2", V::Real, "0", {}, "g1 constant c2"},
      {"g1_M0", V::Real, "4", {}, "g1 constant M0"},
      {"functional", V::Choice, "RG", {"RG", "rG", "SG", "FdrCurve", "RGsmooth"}, "risk functional"},
      {"lambda_max", V::Real, "0", {}, "grid upper end; 0 picks a default"},
      {"intervals", V::Integer, "200", {}, "grid intervals"},
      {"B0", V::Real, "0", {}, "surrogate constant; 0 picks a default"},
      {"n", V::Integer, "10000", {}, "dimension for common_mean"},
      {"n_list", V::RealList, "1024,16384", {}, "dimensions swept by regret, minimax and concentration"},
      {"theta", V::Choice, "spikes", {"zero", "common_mean", "spikes", "least_favorable"}, "mean vector"},
      {"mu", V::Real, "0", {}, "common mean"},
      {"spikes", V::Integer, "0", {}, "spike count; 0 uses ceil(sqrt(n))"},
      {"spike_magnitude", V::Real, "0", {}, "spike size; 0 uses 0.8 sqrt(2 log n)"},
      {"mu_over_root_n", V::RealList, "0,0.3,0.9,2", {}, "common means in units of 1/sqrt(n)"},
      {"p", V::Real, "0", {}, "l_p ball exponent"},
      {"C", V::Real, "0.0005", {}, "l_p ball radius"},
      {"ball", V::Choice, "strong", {"strong", "weak"}, "l_p ball type"},
  };
}

}  // namespace fdrthresh::io
