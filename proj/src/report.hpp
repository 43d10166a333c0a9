/** @file report.hpp
 *  @brief JSON documents for every command. Keys are stable; nothing here is timed.
 */
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "geometry.hpp"

namespace ifp::report {

using nlohmann::json;

/** {"result": ..., "witness": ...?} pieces, assembled into an envelope by the caller. */
struct Document {
  json input;
  json result;
  std::optional<json> witness;
};

Document check(const std::string& spec_text, std::size_t cap);
Document sigma(const std::string& spec_text, std::optional<geometry::Surface> surface, std::size_t cap);
Document lefschetz(const std::string& spec_text, std::optional<geometry::Surface> surface, std::size_t cap);
Document resolve(long r, long a);
Document germ(long r, long p, long q, const std::string& action);
Document pi1(long p, long q, std::size_t coset_cap);
Document hessian_model();

struct TableOutcome {
  Document doc;
  bool all_match = true;
};
/** Runs every `spec => verdict` line of the roster file. */
TableOutcome table(const std::string& roster_path, std::size_t cap);

std::optional<geometry::Surface> parse_surface(const std::string& s);

json envelope(const std::string& command, const Document& d, double timing_ms);

}  // namespace ifp::report
