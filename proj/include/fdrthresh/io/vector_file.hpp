#pragma once

#include <string>
#include <vector>

#include "fdrthresh/risk_engine.hpp"

namespace fdrthresh::io {

/// Binary vector files start with this 8-byte magic, then a little-endian
/// uint64 length, then that many little-endian IEEE doubles.
inline constexpr char kVectorMagic[8] = {'F', 'D', 'R', 'V', 'E', 'C', '0', '1'};

/// Reads either format, detected from the magic. CSV holds one value per
/// line; blank lines and lines starting with '#' are skipped. Throws
/// ValidationError on malformed or empty input.
std::vector<double> read_vector(const std::string& path);

void write_vector_csv(const std::string& path, const std::vector<double>& values);
void write_vector_binary(const std::string& path, const std::vector<double>& values);

/// Prior file: rows "atom" (uniform weights) or "atom,weight", not mixed.
EmpiricalPrior read_prior(const std::string& path);

}  // namespace fdrthresh::io
