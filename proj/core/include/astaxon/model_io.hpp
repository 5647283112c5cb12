#pragma once

#include <iosfwd>
#include <string>

#include "astaxon/boosting.hpp"

namespace astaxon {

// Versioned line format:
//   astaxon-model v1 k=6 T=<n> eps=<e> maxseq=<n>
//   term|<tokens space-joined>|c0,...,c5
//   thr|<attribute>|<threshold>|b0,...,b5|a0,...,a5
// Confidences and thresholds carry 17 significant digits so that
// load(save(m)) reproduces every double bit for bit.
void save_model(std::ostream& out, const Model& model);
void save_model_file(const std::string& path, const Model& model);

// The header line exactly as save_model writes it (without the newline).
std::string model_header(const Model& model);

// Throws ParseError (with line number) on any malformed or truncated input.
Model load_model(std::istream& in);
Model load_model_file(const std::string& path);

} // namespace astaxon
