// Umbrella header.
#pragma once

#include "integer.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "factor.hpp"
#include "residue.hpp"
#include "parallel.hpp"
#include "characters.hpp"
#include "lfun.hpp"
#include "smooth.hpp"
#include "primitive.hpp"
#include "io.hpp"
#include "experiments.hpp"
