// JSON files for algebras, complexes and silting collections, and JSON
// encodings of the objects the command line reports on.
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "k0s/grothendieck.hpp"
#include "k0s/homotopy.hpp"
#include "k0s/silting.hpp"
#include "json.hpp"

namespace k0s::io {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input. The message starts with "file:line:column:"
/// for syntax errors and with "file: at /json/pointer:" for schema errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "Q", "Fp:p" (p prime).
exactmath::Field parse_field(std::string_view text);

Json parse_json(std::string_view text, const std::string& origin);
Json read_json(const std::filesystem::path& file);
std::string read_text(const std::filesystem::path& file);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

// --- decoding -------------------------------------------------------------------

pathalg::Presentation presentation_from_json(const Json& j, const std::string& origin);
homotopy::AlgebraPtr load_algebra(const std::filesystem::path& file, exactmath::Field field);

/// {"terms": {"0": ["2"]}, "differentials": {"0": [[entry]]}}. A matrix is a
/// list of rows (one per target summand); an entry is a term
/// {"path": [arrow names in composition order], "coeff": "p/q"}, a list of
/// terms, or null/[] for zero. An empty path is the identity.
/// `at` is the JSON pointer of `j` inside its file, used in error messages.
homotopy::ProjComplex complex_from_json(const homotopy::AlgebraPtr& alg, const Json& j, const std::string& origin,
                                        const std::string& at = "");
homotopy::ProjComplex load_complex(const homotopy::AlgebraPtr& alg, const std::filesystem::path& file);

/// {"d": 2 | "presilting", "summands": {"name": complex, ...}}; summand order
/// follows the file.
silting::SiltingCollection silting_from_json(const homotopy::AlgebraPtr& alg, const Json& j,
                                             const std::string& origin);
silting::SiltingCollection load_silting(const homotopy::AlgebraPtr& alg, const std::filesystem::path& file);

// --- encoding -------------------------------------------------------------------

Json to_json(const pathalg::Algebra& alg, const pathalg::AlgebraElement& e);
Json to_json(const homotopy::ProjComplex& x);
Json to_json(const homotopy::ChainMap& f);
Json to_json(const grothendieck::K0SpElement& e, const std::vector<std::string>& order);
Json to_json(const grothendieck::GroupInvariants& g);
Json to_json(const silting::Filtration& f, const silting::SiltingCollection& m);

}  // namespace k0s::io
