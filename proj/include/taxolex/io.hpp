#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace taxolex {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& body);

// Parses JSON, rejecting duplicate object keys (nlohmann silently keeps the
// last one otherwise, which would hide code-book mistakes).
nlohmann::json parse_json(const std::string& text, const std::string& origin);
nlohmann::json parse_json_file(const std::string& path);

// FNV-1a 64-bit content digest, hex-encoded; used by run manifests.
std::string content_digest(const std::string& body);
std::string file_digest(const std::string& path);

// Half-up rounding of a ratio to hundredths of a percent (Table-style
// two-decimal rendering), e.g. 42/90 -> 4667.
std::int64_t percent_hundredths(std::int64_t numerator, std::int64_t denominator);
// "46.67" from 4667.
std::string render_hundredths(std::int64_t hundredths);

}  // namespace taxolex
