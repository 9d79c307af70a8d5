#pragma once

#include "bclkit/closure.hpp"
#include "bclkit/model.hpp"

#include <map>

namespace bclkit
{

struct Filtration
{
    RelatingModel model;                  // worlds named after class representatives
    std::map<WorldId, WorldId> class_of;  // original world -> representative
};

// Quotient by agreement on every formula of gamma. The representative of a
// class is its least world id; its relation restricted to gamma^2 and its
// valuation restricted to the variables of gamma label the class. Access is
// the existential image.
Filtration filtrate( const RelatingModel& model, const ClosureSet& gamma );

// Carrier extended with demodalized images; each relation gains every pair
// whose demodalized image it already contains.
RelatingModel demodal_complete( const RelatingModel& model );

} // namespace bclkit
