#pragma once

#include "debranges/canonical_product.hpp"
#include "debranges/criterion.hpp"
#include "debranges/entire_function.hpp"
#include "debranges/errors.hpp"
#include "debranges/hermite_biehler.hpp"
#include "debranges/jacobi.hpp"
#include "debranges/quadrature.hpp"
#include "debranges/space.hpp"
#include "debranges/types.hpp"
#include "debranges/zero_sequence.hpp"
