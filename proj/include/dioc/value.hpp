#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace dioc {

/// Result of a failed evaluation (unknown function, type mismatch, division by zero).
struct ErrValue {
    auto operator<=>(const ErrValue&) const = default;
};

struct NullValue {
    auto operator<=>(const NullValue&) const = default;
};

/// A runtime value: integer, boolean, string, null or error.
class Value {
public:
    using Storage = std::variant<ErrValue, NullValue, std::int64_t, bool, std::string>;

    Value() : v_(ErrValue{}) {}
    Value(std::int64_t i) : v_(i) {}
    Value(int i) : v_(static_cast<std::int64_t>(i)) {}
    Value(bool b) : v_(b) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(const char* s) : v_(std::string(s)) {}

    static Value err() { return Value(); }
    static Value null() {
        Value v;
        v.v_ = NullValue{};
        return v;
    }

    bool is_err() const { return std::holds_alternative<ErrValue>(v_); }
    bool is_null() const { return std::holds_alternative<NullValue>(v_); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_string() const { return std::holds_alternative<std::string>(v_); }

    std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    bool as_bool() const { return std::get<bool>(v_); }
    const std::string& as_string() const { return std::get<std::string>(v_); }

    const Storage& storage() const { return v_; }

    /// Literal syntax: `7`, `true`, `"s"`, `null`, `err`.
    std::string to_string() const;
    std::size_t hash() const;

    auto operator<=>(const Value&) const = default;
    bool operator==(const Value&) const = default;

private:
    Storage v_;
};

using LocalState = std::map<std::string, Value>;

/// Variables with this prefix are introduced by projection and never written by programs.
inline constexpr std::string_view kAuxPrefix = "aux$";

inline bool is_aux_var(std::string_view name) { return name.substr(0, kAuxPrefix.size()) == kAuxPrefix; }

/// Local state with auxiliary variables dropped. Stub call counters stay: they steer later calls.
LocalState observable(const LocalState& s);

std::size_t hash_state(const LocalState& s);

}  // namespace dioc
