#pragma once

#include <iosfwd>
#include <string>

#include "qsd/ensemble.hpp"

namespace qsd {

// Ensemble text format, stable across versions:
//
//   dim <d>
//   n <N>
//   prior <p_1>
//   <d*d entries as "re im" pairs, row-major>
//   ...
//   prior <p_N>
//   <entries>
//
// '#' starts a comment running to the end of the line; whitespace is free.
Ensemble read_ensemble(std::istream& in);
Ensemble read_ensemble_file(const std::string& path);

void write_ensemble(std::ostream& out, const Ensemble& e);
void write_ensemble_file(const std::string& path, const Ensemble& e);

// Shortest round-trippable decimal form of a double.
std::string format_double(double v);

}  // namespace qsd
