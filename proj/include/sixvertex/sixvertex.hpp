#pragma once

#include "errors.hpp"
#include "convention.hpp"
#include "tensor.hpp"
#include "vertex.hpp"
#include "monodromy.hpp"
#include "reference.hpp"
#include "lemma.hpp"
#include "bethe.hpp"
#include "lattice.hpp"
#include "action_angle.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "config.hpp"
#include "report.hpp"
#include "suites.hpp"
