#pragma once

// Umbrella header.

#include "characters.hpp"
#include "cuspidal.hpp"
#include "finite_field.hpp"
#include "fourier.hpp"
#include "group.hpp"
#include "lattice/checks.hpp"
#include "representation.hpp"
#include "rings.hpp"
#include "suite.hpp"
#include "verification.hpp"
#include "weil.hpp"
