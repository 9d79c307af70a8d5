#pragma once

#include "bclkit/closure.hpp"
#include "bclkit/model.hpp"

#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bclkit
{

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Cond
{
    a1, a2, b0, b1, b2, cun, gcun,
    b0p, b1p, b2p,
    r1, r2, r3, r4, r5,
    demR, demL, demE,
    d1, d2, k1, k2, t, d, b, iv, v,
    d1_d, d2_d, k1_d, k2_d, t_d, d_d, b_d, iv_d, v_d,
};

enum class Frame
{
    reflexive,
    serial,
    symmetric,
    transitive,
    euclidean,
};

struct Quad
{
    unsigned k = 0, l = 0, m = 0, n = 0;
    friend auto operator<=>( const Quad&, const Quad& ) = default;
};

struct Condition
{
    Cond kind;
    Quad quad{};   // gcun only

    [[nodiscard]] std::string name() const;
    friend auto operator<=>( const Condition&, const Condition& ) = default;
};

std::string frame_name( Frame f );
std::optional<Frame> frame_from_name( std::string_view name );
std::optional<Frame> frame_of( Cond c );   // property paired with t, d, b, iv, v and their _d forms

// Named conditions plus frame requirements. Frame properties implied by
// t/d/b/iv/v can be dropped with "!reflexive" etc. to study the relation-only
// half of a condition.
class ConditionSet
{
public:
    ConditionSet() = default;

    // Comma-separated flags: "a1,a2,b0,gcun:0,1,0,2,t,!reflexive".
    // gcun takes exactly four naturals with k<=m and l<=n.
    static ConditionSet parse( std::string_view text );

    void add( Condition c );
    void add( Cond c ) { add( Condition{ c } ); }
    void remove( Cond c );
    void add_frame( Frame f );
    void remove_frame( Frame f );
    void merge( const ConditionSet& other );

    [[nodiscard]] const std::set<Condition>& conditions() const { return _conds; }
    [[nodiscard]] bool has( Cond c ) const;
    [[nodiscard]] std::vector<Quad> gcun() const;
    [[nodiscard]] std::set<Frame> frames() const;
    [[nodiscard]] bool cross_world() const { return has( Cond::k2 ) || has( Cond::k2_d ); }
    [[nodiscard]] bool demodalizing() const;
    // Largest negation depth gcun instances may need: max(m, n, 2m-k, 2n-l).
    [[nodiscard]] std::size_t padding_depth() const;
    [[nodiscard]] bool empty() const { return _conds.empty() && frames().empty(); }

    [[nodiscard]] std::string to_string() const;

    friend bool operator==( const ConditionSet&, const ConditionSet& ) = default;

private:
    std::set<Condition> _conds;
    std::set<Frame> _frames;
    std::set<Frame> _dropped;
};

// A failed condition instance. `pair` decides it: when `required` the pair
// is missing from the relation, otherwise it is present but forbidden.
// `premises` are pairs that are present, `absent` pairs that are missing,
// and together with `pair` they witness the failure.
struct Violation
{
    std::string condition;
    std::optional<WorldId> world;
    std::optional<FormulaPair> pair;
    bool required = false;
    std::vector<FormulaPair> premises;
    std::vector<FormulaPair> absent;
    std::optional<WorldPair> edge;   // frame violations: the missing access edge
    std::string reason;
};

struct AdmissibilityReport
{
    bool admissible = true;
    std::vector<Violation> violations;
};

// Gamma-relativized check of one single-world condition. Cross-world
// conditions (k2, k2_d) are not decidable from one relation and yield nothing
// here; `admissible` checks them on whole models.
std::vector<Violation> check( const Relation& relation, const ClosureSet& carrier, const Condition& cond );

Relation forced_pairs( const ClosureSet& carrier, const ConditionSet& conds );

// Least superset inside carrier^2 closed under the implicational conditions
// cun, gcun, r3, demR, demL, demE of `conds`; other flags are ignored.
Relation close( const Relation& relation, const ClosureSet& carrier, const ConditionSet& conds );

bool frame_check( const std::vector<WorldId>& worlds, const std::set<WorldPair>& access, Frame f );

AdmissibilityReport admissible( const RelatingModel& model, const ConditionSet& conds );

} // namespace bclkit
