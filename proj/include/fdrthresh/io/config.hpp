#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fdrthresh::io {

enum class ValueType { Real, Integer, Unsigned, Boolean, Text, Choice, RealList };

struct KeySpec {
  std::string key;
  ValueType type = ValueType::Real;
  std::string default_value;
  std::vector<std::string> choices;
  std::string help;
};

/// Flat "key = value" configuration checked against a typed schema. Lines
/// starting with '#' are comments. Unknown keys and ill-typed values raise
/// ValidationError naming the source line.
class Config {
public:
  explicit Config(std::vector<KeySpec> schema);

  void load_file(const std::string& path);
  void load_text(const std::string& text, const std::string& source);
  void set(const std::string& key, const std::string& value, const std::string& source = "override");

  double real(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::uint64_t unsigned_integer(const std::string& key) const;
  bool boolean(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  std::vector<double> real_list(const std::string& key) const;

  const std::vector<KeySpec>& schema() const { return schema_; }

  /// Every key in schema order, including defaults; loading this text back
  /// reproduces the configuration exactly.
  std::string render() const;

private:
  const KeySpec& spec(const std::string& key) const;

  std::vector<KeySpec> schema_;
  std::map<std::string, std::string> values_;
};

/// Schema shared by every subcommand of the command-line tool.
std::vector<KeySpec> run_schema();

}  // namespace fdrthresh::io
