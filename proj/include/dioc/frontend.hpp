#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dioc/ast.hpp"

namespace dioc {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

struct DiocProgram {
    DiocProc proc;
    RoleSet declared_roles;  // from an optional `roles A, B;` preamble
};

/// Parses a choreography and annotates constructs lacking an explicit `[n]` index.
DiocProgram parse_dioc(std::string_view src);

/// Gives every unannotated construct a fresh index above the largest one present.
DiocProc annotate(const DiocProc& p);

/// Parses `update <name> [target <scope-name>] { ... }` blocks. Entry k (0-based) is annotated
/// starting at 10000*(k+1) unless it carries explicit indexes.
UpdateRepo parse_updates(std::string_view src, int repo_id = 0);

/// Parses a single process in the full (round-trippable) syntax.
DpocProc parse_dpoc(std::string_view src);

/// Parses `role R { process } [state { x = literal; ... }]` entries.
Network parse_network(std::string_view src);

/// Parses function stubs: `name(pattern, ...) = literal` or `= seq(literal, ...)`; `_` matches anything.
FunctionEnv parse_functions(std::string_view src);

std::string pretty(const DiocProc& p);
/// Full syntax: every index, operation prefix and `1` is shown; `parse_dpoc` reads it back.
std::string pretty(const DpocProc& p);
/// Reading form: 1s elided, prefixes equal to the construct index omitted, auxiliary variables shortened.
std::string display(const DpocProc& p);
std::string pretty(const Network& n);

std::string read_file(const std::filesystem::path& path);

/// Updates of one `.upd` file, or of every `.upd` file of a directory in name order.
UpdateRepo load_updates(const std::filesystem::path& path);

}  // namespace dioc
