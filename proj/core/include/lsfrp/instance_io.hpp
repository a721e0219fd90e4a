#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lsfrp/instance.hpp"
#include "lsfrp/solution.hpp"

namespace lsfrp {

inline constexpr std::string_view kInstanceSchema = "lsfrp-instance-v1";
inline constexpr std::string_view kSolutionSchema = "lsfrp-solution-v1";

/// Malformed text, a dangling id reference, or an instance failing validation.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses and validates. Money fields are integral cents.
Instance parse_instance(std::string_view text);
Instance read_instance(const std::filesystem::path& path);

/// Deterministic pretty-printed JSON (fixed key order, trailing newline).
std::string write_instance(const Instance& instance);
void write_instance(const Instance& instance, const std::filesystem::path& path);

struct SolutionWriteOptions {
  bool include_timing = true;  // diagnostics.wall_time_s
};

std::string write_solution(const Instance& instance, const Solution& solution, const SolutionWriteOptions& options = {});
void write_solution(const Instance& instance, const Solution& solution, const std::filesystem::path& path,
                    const SolutionWriteOptions& options = {});

/// Ids are resolved against `instance`.
Solution parse_solution(std::string_view text, const Instance& instance);

/// Whole-file read; throws Error naming the path when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace lsfrp
