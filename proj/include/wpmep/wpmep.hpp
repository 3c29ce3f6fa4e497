#pragma once

#include "wpmep/errors.hpp"
#include "wpmep/label_set.hpp"
#include "wpmep/poset.hpp"
#include "wpmep/field.hpp"
#include "wpmep/space.hpp"
#include "wpmep/isometry.hpp"
#include "wpmep/mep.hpp"
#include "wpmep/lattice.hpp"
#include "wpmep/fourier.hpp"
#include "wpmep/instance.hpp"
