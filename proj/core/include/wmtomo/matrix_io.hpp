#pragma once

#include <string>

#include "wmtomo/complex_matrix.hpp"

namespace wmtomo::io {

// Matrix files are JSON objects {"dim": n, "entries": [[[re, im], ...], ...]}
// with row-major nested arrays. Throws Error on unreadable or malformed
// files, with the path in the message.
linalg::ComplexMatrix load_matrix(const std::string& path);
void save_matrix(const linalg::ComplexMatrix& m, const std::string& path);

}  // namespace wmtomo::io
