#pragma once

#include "circlech/convergence.hpp"
#include "circlech/error.hpp"
#include "circlech/genfamily.hpp"
#include "circlech/hemigroups.hpp"
#include "circlech/json_io.hpp"
#include "circlech/loewner.hpp"
#include "circlech/measures.hpp"
#include "circlech/series.hpp"
#include "circlech/subordination.hpp"
