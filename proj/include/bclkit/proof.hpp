#pragma once

#include "bclkit/formula.hpp"
#include "bclkit/schema.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bclkit
{

class ProofFormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Justification
{
    enum class Kind
    {
        axiom,
        cpl,
        ds,
        nec,
    };

    Kind kind = Kind::cpl;
    std::string axiom;                                      // axiom
    std::optional<std::map<std::string, Formula>> bindings; // axiom, optional
    std::size_t i = 0, j = 0;                               // ds (i, j) and nec (i); 1-based
};

struct ProofStep
{
    Formula formula;
    Justification why;
};

struct Proof
{
    std::string calculus;
    std::vector<ProofStep> steps;
};

struct VerifyResult
{
    bool ok = true;
    std::size_t step = 0;   // 1-based index of the first rejected step
    std::string reason;
};

// Substitution instance of a classical tautology: maximal subformulas headed
// by ->, [] or <> become shared atoms, then the skeleton is truth-tabled.
// Throws BudgetError beyond 20 atoms.
bool is_cpl_instance( const Formula& f );

VerifyResult verify( const Proof& proof );

Proof proof_from_json( const nlohmann::json& doc );
nlohmann::json proof_to_json( const Proof& proof );

} // namespace bclkit
