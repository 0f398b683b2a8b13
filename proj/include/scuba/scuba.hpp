#ifndef SCUBA_SCUBA_HPP
#define SCUBA_SCUBA_HPP

#include "scuba/genotype.hpp"
#include "scuba/random.hpp"
#include "scuba/landscape.hpp"
#include "scuba/neighborhood.hpp"
#include "scuba/heuristics.hpp"
#include "scuba/experiments.hpp"
#include "scuba/pathgraph.hpp"

#endif  // SCUBA_SCUBA_HPP
