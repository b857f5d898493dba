#ifndef BOSONIC_BOSONIC_HPP
#define BOSONIC_BOSONIC_HPP

#include "bosonic/errors.hpp"
#include "bosonic/tolerances.hpp"
#include "bosonic/thermal_entropy.hpp"
#include "bosonic/symplectic.hpp"
#include "bosonic/gaussian.hpp"
#include "bosonic/fock.hpp"
#include "bosonic/bounds.hpp"
#include "bosonic/experiments.hpp"
#include "bosonic/io.hpp"

#endif  // BOSONIC_BOSONIC_HPP
