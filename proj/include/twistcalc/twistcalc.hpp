#pragma once

#include "twistcalc/bounds.hpp"
#include "twistcalc/chern.hpp"
#include "twistcalc/cyclo.hpp"
#include "twistcalc/errors.hpp"
#include "twistcalc/formulas.hpp"
#include "twistcalc/lattice.hpp"
#include "twistcalc/psu.hpp"
#include "twistcalc/rational.hpp"
#include "twistcalc/serialize.hpp"
#include "twistcalc/series.hpp"
#include "twistcalc/surface.hpp"
