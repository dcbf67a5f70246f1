#pragma once

#include "rotator/constraints.hpp"
#include "rotator/dual.hpp"
#include "rotator/eom.hpp"
#include "rotator/errors.hpp"
#include "rotator/family.hpp"
#include "rotator/gauge.hpp"
#include "rotator/hamiltonian.hpp"
#include "rotator/hessian.hpp"
#include "rotator/integrator.hpp"
#include "rotator/io.hpp"
#include "rotator/mass_spin.hpp"
#include "rotator/minkowski.hpp"
#include "rotator/observables.hpp"
#include "rotator/phase_state.hpp"
#include "rotator/poisson.hpp"
#include "rotator/random_states.hpp"
#include "rotator/rotator_model.hpp"
#include "rotator/sphere.hpp"
