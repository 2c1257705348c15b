#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "vtc/hankel_canonical.hpp"
#include "vtc/toeplitz_dirac.hpp"

// File formats: complex scalars are [re, im] pairs, matrices are row-major
// nested arrays, and every file carries a "kind" discriminator.

namespace vtc::io {

using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);  // throws SchemaError

Json complex_to_json(const Complex& z);
Json matrix_to_json(const Matrix& M);
Complex json_to_complex(const Json& j);
Matrix json_to_matrix(const Json& j);

toeplitz::ToeplitzSpec parse_toeplitz(const Json& j);
toeplitz::VerblunskySeqT parse_rho(const Json& j);
hankel::HankelSpec parse_hankel(const Json& j);
hankel::OmegaSeq parse_omega(const Json& j);
hankel::DiscreteMeasure parse_measure(const Json& j);
toeplitz::DiracSystem parse_dirac(const Json& j);

Json to_json(const toeplitz::ToeplitzSpec& spec);
Json to_json(const toeplitz::VerblunskySeqT& seq);
Json to_json(const hankel::HankelSpec& spec);
Json to_json(const hankel::OmegaSeq& os);
Json to_json(const hankel::DiscreteMeasure& measure);
Json to_json(const toeplitz::DiracSystem& D);

/// Kind discriminator of a parsed file ("toeplitz", "hankel", ...).
std::string kind_of(const Json& j);

/// Deterministic serialization: insertion-ordered keys, doubles rendered
/// with 17 significant digits.
std::string dump_deterministic(const Json& j);

void write_json_file(const std::string& path, const Json& j);

}  // namespace vtc::io
