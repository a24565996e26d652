#pragma once

#include <string>

#include <json.hpp>

#include "pompeiu/contour.hpp"
#include "pompeiu/function_spec.hpp"
#include "pompeiu/matrix.hpp"
#include "pompeiu/spectral.hpp"
#include "pompeiu/spectrum.hpp"

namespace pompeiu {

using Json = nlohmann::json;

// Matrix file format: {"dim": n, "re": [[...]], "im": [[...]]}, row-major,
// 17-significant-digit serialization.
Json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const Json& j);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

// Contour export: {"level": t, "loops": [[{"re":..., "im":...}, ...], ...]}.
Json contour_to_json(const Contour& c);

// Family export: {"atoms": [{"lambda": {re, im}, "P": matrix-json}, ...]}.
Json family_to_json(const SpectralFamily& f);
SpectralFamily family_from_json(const Json& j);

// Measure export: [{"location": {re, im}, "mass": {re, im}}, ...].
Json measure_to_json(const AtomicMeasure& m);

/// Registry lookup for CLI-addressable functions. `spec` carries "name" plus
/// per-entry parameters; the domain box bounds pole/validity checks.
FunctionSpec function_from_json(const Json& spec, const Box& domain);

/// FNV-1a 64-bit hash as fixed-width hex; used to stamp report payloads.
std::string fnv1a_hex(const std::string& bytes);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pompeiu
