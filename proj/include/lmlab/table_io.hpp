#pragma once

#include <string>

#include "lmlab/coeff_table.hpp"

namespace lmlab {

// Plain decimal text cache, 17 significant digits per component (exact
// double round trip). Header carries an fnv1a hash of the identifying
// fields; stale or corrupted files are rejected with the offending row named.
void save_table(const CoefficientTable& table, const std::string& path);
CoefficientTable load_table(const std::string& path);

uint64_t table_header_hash(const CoefficientTable& table);

}  // namespace lmlab
