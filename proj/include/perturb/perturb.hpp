#pragma once

#include "perturb/boost.hpp"
#include "perturb/certificates.hpp"
#include "perturb/conjecture.hpp"
#include "perturb/csv.hpp"
#include "perturb/edge_list.hpp"
#include "perturb/errors.hpp"
#include "perturb/exact_cycles.hpp"
#include "perturb/experiments.hpp"
#include "perturb/extremal.hpp"
#include "perturb/graph.hpp"
#include "perturb/linear_forest.hpp"
#include "perturb/long_cycle.hpp"
#include "perturb/matching.hpp"
#include "perturb/models.hpp"
#include "perturb/oriented_cycle.hpp"
#include "perturb/parallel.hpp"
#include "perturb/random.hpp"
#include "perturb/sprinkle.hpp"
