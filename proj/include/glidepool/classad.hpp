#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "glidepool/expression.hpp"
#include "glidepool/value.hpp"

namespace glidepool {

/// Which side of the matchmaking an ad describes. Drives the resolution of
/// Job./Machine. scoped attribute references.
enum class AdKind { Generic, Job, Machine };

/*
 * Ordered attribute map. Lookups are case-insensitive; the original spelling
 * and insertion order are preserved for printing and serialization.
 */
class ClassAd {
public:
    ClassAd() = default;
    explicit ClassAd(AdKind kind) : kind_(kind) {}

    AdKind kind() const { return kind_; }
    void set_kind(AdKind kind) { kind_ = kind; }

    /// Inserts or replaces (case-insensitive). Replacement keeps the
    /// attribute's position and original spelling.
    void set(const std::string& name, ExprPtr value);
    void set(const std::string& name, Value literal);

    /// nullptr when absent; evaluation maps absence to Undefined.
    const ExprPtr* find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }

    const std::vector<std::pair<std::string, ExprPtr>>& attributes() const { return attrs_; }
    std::size_t size() const { return attrs_.size(); }

    /// Structural equality: same attribute order, spelling-insensitive
    /// names, structurally equal expressions. Kind tags are not compared.
    bool operator==(const ClassAd& other) const;

private:
    AdKind kind_ = AdKind::Generic;
    std::vector<std::pair<std::string, ExprPtr>> attrs_;
    std::unordered_map<std::string, std::size_t> index_;  // lowercased name -> attrs_ position
};

/// Case-insensitive string equality (ASCII), shared by the evaluator and
/// anything matching attribute or entry names.
bool ci_equal(std::string_view a, std::string_view b);
std::string to_lower(std::string_view s);

/*
 * Three-valued evaluation: MY resolves to `my`, TARGET to `target`, Job and
 * Machine to whichever ad carries that kind tag, unqualified names to `my`
 * then `target`. An attribute found in an ad is evaluated with that ad as MY.
 * Total: any failure mode is folded into the Error value.
 */
Value evaluate(const Expr& expr, const ClassAd& my, const ClassAd& target);
Value evaluate(const ExprPtr& expr, const ClassAd& my, const ClassAd& target);

/// Bilateral match: the job ad's Requirements against the machine and the
/// machine ad's Start against the job must both evaluate to Boolean true.
/// A missing Requirements/Start counts as true.
bool symmetric_match(const ClassAd& jobAd, const ClassAd& machineAd);

}  // namespace glidepool
