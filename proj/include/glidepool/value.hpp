#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace glidepool {

/*
 * Evaluation result of a classad expression. Undefined and Error are
 * first-class values: evaluation is total and never throws.
 */
class Value {
public:
    enum class Kind { Undefined, Error, Boolean, Integer, Real, Text, List };

    struct UndefinedT {
        bool operator==(const UndefinedT&) const = default;
    };
    struct ErrorT {
        bool operator==(const ErrorT&) const = default;
    };

    Value() : data_(UndefinedT{}) {}

    static Value undefined() { return Value(UndefinedT{}); }
    static Value error() { return Value(ErrorT{}); }
    static Value boolean(bool b) { return Value(b); }
    static Value integer(std::int64_t i) { return Value(i); }
    static Value real(double d) { return Value(d); }
    static Value text(std::string s) { return Value(std::move(s)); }
    static Value list(std::vector<Value> items) { return Value(std::move(items)); }

    Kind kind() const { return static_cast<Kind>(data_.index()); }

    bool is_undefined() const { return kind() == Kind::Undefined; }
    bool is_error() const { return kind() == Kind::Error; }
    bool is_boolean() const { return kind() == Kind::Boolean; }
    bool is_integer() const { return kind() == Kind::Integer; }
    bool is_real() const { return kind() == Kind::Real; }
    bool is_text() const { return kind() == Kind::Text; }
    bool is_list() const { return kind() == Kind::List; }
    bool is_number() const { return is_integer() || is_real(); }

    /// Boolean true, and nothing else, counts as true.
    bool is_true() const { return is_boolean() && as_boolean(); }

    bool as_boolean() const { return std::get<bool>(data_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(data_); }
    double as_real() const { return std::get<double>(data_); }
    const std::string& as_text() const { return std::get<std::string>(data_); }
    const std::vector<Value>& as_list() const { return std::get<std::vector<Value>>(data_); }

    /// Numeric value after Integer-to-Real promotion. Only valid for numbers.
    double to_real() const {
        return is_integer() ? static_cast<double>(as_integer()) : as_real();
    }

    // Structural identity: Integer(3) != Real(3.0), Text is case-sensitive.
    // The evaluator's comparison operators are separate from this.
    bool operator==(const Value& other) const = default;

private:
    using Data = std::variant<UndefinedT, ErrorT, bool, std::int64_t, double,
                              std::string, std::vector<Value>>;

    template <typename T>
    explicit Value(T&& v) : data_(std::forward<T>(v)) {}

    Data data_;
};

/// Value rendered as expression source text (quoted/escaped for Text,
/// trailing ".0" kept on Reals so the kind survives a re-parse).
std::string to_string(const Value& v);

}  // namespace glidepool
