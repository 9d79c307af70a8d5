#pragma once

#include "bclkit/conditions.hpp"
#include "bclkit/formula.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bclkit
{

// Axiom template over metavariables. `dmeta` stands for d(X) of the
// metavariable X, evaluated in the metalanguage at match time.
struct Template
{
    enum class Kind
    {
        meta,
        dmeta,
        neg,
        conj,
        disj,
        arrow,
        box,
        diamond,
    };

    Kind kind;
    std::string meta;               // meta, dmeta
    std::vector<Template> kids;

    [[nodiscard]] std::string text() const;
};

struct AxiomSchema
{
    std::string name;
    Template tpl;
    std::optional<Quad> params;     // gcun schemata
};

struct Bindings
{
    std::map<std::string, Formula> metas;
    std::optional<Quad> params;
};

std::optional<Bindings> match_schema( const Formula& f, const AxiomSchema& schema );

// Throws std::invalid_argument when a metavariable is unbound.
Formula instantiate( const AxiomSchema& schema, const std::map<std::string, Formula>& metas );

std::vector<std::string> metavariables( const AxiomSchema& schema );

struct Calculus
{
    std::string name;
    std::vector<AxiomSchema> axioms;
    bool necessitation = false;     // modal calculi only

    [[nodiscard]] const AxiomSchema* find( const std::string& name ) const;
};

// A logic pairs the semantic side (conditions) with the proof side.
struct Logic
{
    std::string name;
    ConditionSet conditions;
    Calculus calculus;
    bool modal = false;
};

// Registry: BCL, BCL+cun, BCL+gcun:k,l,m,n, MBCL, MBCL+X1,...,Xn with
// X in {D1,D2,K,T,D,B,4,5}, MBCL+gcun:k,l,m,n, MBCL+CUDR|CUDL|CUDE.
// Items after '+' may be combined. Throws ConfigError on unknown names.
Logic logic( const std::string& name );
Calculus calculus( const std::string& name );

// Names exercised by the test suites; one per registry family.
std::vector<std::string> sample_logic_names();

} // namespace bclkit
