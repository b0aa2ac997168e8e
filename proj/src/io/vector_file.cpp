#include "fdrthresh/io/vector_file.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fdrthresh/common.hpp"

namespace fdrthresh::io {

namespace {

static_assert(std::endian::native == std::endian::little, "binary vector I/O assumes little-endian");

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ValidationError(where + ": '" + text + "' is not a finite real number");
  }
  return value;
}

template <typename Fn>
void for_each_row(const std::string& text, const std::string& path, Fn&& fn) {
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    const std::string row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    fn(row, path + ":" + std::to_string(number));
  }
}

}  // namespace

std::vector<double> read_vector(const std::string& path) {
  const std::string data = slurp(path);
  std::vector<double> values;
  if (data.size() >= sizeof kVectorMagic && std::memcmp(data.data(), kVectorMagic, sizeof kVectorMagic) == 0) {
    if (data.size() < 16) throw ValidationError(path + ": truncated binary header");
    std::uint64_t length = 0;
    std::memcpy(&length, data.data() + 8, sizeof length);
    if (data.size() != 16 + length * sizeof(double)) {
      throw ValidationError(path + ": binary payload does not match its declared length");
    }
    values.resize(length);
    std::memcpy(values.data(), data.data() + 16, length * sizeof(double));
    for (double v : values) {
      if (!std::isfinite(v)) throw ValidationError(path + ": non-finite value in binary vector");
    }
  } else {
    for_each_row(data, path, [&](const std::string& row, const std::string& where) {
      values.push_back(parse_real(row, where));
    });
  }
  if (values.empty()) throw ValidationError(path + ": input vector is empty");
  return values;
}

void write_vector_csv(const std::string& path, const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  char buf[32];
  for (double v : values) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, ptr - buf);
    out.put('\n');
  }
}

void write_vector_binary(const std::string& path, const std::vector<double>& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  const std::uint64_t length = values.size();
  out.write(kVectorMagic, sizeof kVectorMagic);
  out.write(reinterpret_cast<const char*>(&length), sizeof length);
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
}

EmpiricalPrior read_prior(const std::string& path) {
  std::vector<double> atoms;
  std::vector<double> weights;
  int columns = 0;
  for_each_row(slurp(path), path, [&](const std::string& row, const std::string& where) {
    const auto comma = row.find(',');
    const int here = comma == std::string::npos ? 1 : 2;
    if (columns != 0 && here != columns) throw ValidationError(where + ": mixed weighted and unweighted rows");
    columns = here;
    if (here == 1) {
      atoms.push_back(parse_real(row, where));
    } else {
      atoms.push_back(parse_real(trim(row.substr(0, comma)), where));
      weights.push_back(parse_real(trim(row.substr(comma + 1)), where));
    }
  });
  if (atoms.empty()) throw ValidationError(path + ": prior has no atoms");
  try {
    if (columns == 1) return EmpiricalPrior(std::move(atoms));
    return EmpiricalPrior(std::move(atoms), std::move(weights));
  } catch (const DomainError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace fdrthresh::io
