#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>

#include <json.hpp>

#include "chaosmark/modulation.hpp"
#include "chaosmark/phase_space.hpp"

namespace chaosmark::cli {

/// I/O failure (missing or unreadable file); maps to exit code 3 like ParseError.
class IoError : public Error {
public:
    using Error::Error;
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

/// Reads `{"nv": n, "data": [...]}` (.json), a single-column CSV (.csv) or a
/// PGM image (.pgm, P2 or P5, flattened row-major).
VectorN read_vector(const std::filesystem::path& path);
/// Writes JSON or CSV according to the extension.
void write_vector(const std::filesystem::path& path, const VectorN& v);

/// "0x..." is hexadecimal (4 bits per digit, most significant first);
/// anything else must be a string of '0'/'1'.
Message parse_message(std::string_view text);

nlohmann::ordered_json to_json(const VectorN& v);
nlohmann::ordered_json to_json(const Strategy& s);
nlohmann::ordered_json to_json(const PhasePoint& x);
PhasePoint phase_point_from_json(const nlohmann::json& j);
PhasePoint read_phase_point(const std::filesystem::path& path);

/// Strategy prefix terms and media uniform in [-N, N]; periodic tail of length 1..3.
PhasePoint random_phase_point(std::size_t nv, double bound_n, std::size_t prefix_len, std::mt19937_64& gen);

/// FNV-1a over the little-endian bytes of `key`, as 16 hex digits.
std::string key_fingerprint(std::uint64_t key);

/// Shortest round-trip decimal form.
std::string format_double(double value);

}  // namespace chaosmark::cli
