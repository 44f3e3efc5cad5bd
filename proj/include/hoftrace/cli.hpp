#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hoftrace/traces.hpp"

namespace hoftrace::cli {

enum class Command { Coeffs, Trace, PointTrace, Dos, Series, Verify };
enum class Format { Json, Csv };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view name);

inline constexpr int kNMaxCap = 64;
inline constexpr int kDefaultVerifyNMax = 12;
inline constexpr int kDefaultDosGrid = 101;
inline constexpr int kDefaultQuadratureNodes = 16;

struct RunConfig {
    Command command = Command::Coeffs;
    std::int64_t p = 0;
    std::int64_t q = 1;
    double lambda = 2.0;
    std::optional<int> n;
    std::optional<int> n_max;
    std::vector<double> s;
    // bz grid for oracle traces, number of s samples for dos
    std::optional<int> grid;
    Format format = Format::Json;
    std::string output;  // empty: stdout
    TraceKind kind = TraceKind::FullQuantum;
    TraceMethod method = TraceMethod::PartitionSum;
    int quadrature_nodes = kDefaultQuadratureNodes;
};

// A CSV-shaped view of a command's output. Cells are JSON scalars: null, boolean,
// signed integer, float or string.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

// Header line plus one line per row. Strings are always quoted, null is an
// empty field, floats use the shortest round-trip form and non-finite floats
// are written inf, -inf, nan.
std::string emit_csv(const Table& table);
// Inverse of emit_csv. Throws std::invalid_argument on malformed input.
Table parse_csv(std::string_view text);

// Command output in both shapes. JSON cannot hold non-finite numbers; they
// appear there as null.
struct Document {
    nlohmann::json json;
    Table table;
    bool verification_failed = false;
};

// Builds the output for a validated config. Warnings (grid below n + 1, s
// outside the point spectrum) are appended to `warnings`. Throws the library
// errors on invalid input; `verify` returns normally with failing checks
// marked in the document.
Document build_document(const RunConfig& config, std::vector<std::string>& warnings);

// Worker count for grid computations: hardware concurrency, bounded by
// HOFTRACE_THREADS when that holds a positive integer.
int worker_count();

// Validates, computes, writes to config.output or `out`. Exit codes: 0 ok,
// 1 validation or usage error, 2 verification failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into `config`. Returns std::nullopt to continue, otherwise the
// exit code (0 after --help, 1 on a usage error) with messages already written.
std::optional<int> parse_command_line(int argc, const char* const* argv, RunConfig& config, std::ostream& out,
                                      std::ostream& err);

}  // namespace hoftrace::cli
