#ifndef SBUC_HPP
#define SBUC_HPP

#include "sbuc/core.hpp"
#include "sbuc/cuts.hpp"
#include "sbuc/separation.hpp"
#include "sbuc/rational.hpp"
#include "sbuc/exact_lp.hpp"
#include "sbuc/instance.hpp"
#include "sbuc/oracle.hpp"
#include "sbuc/formulation.hpp"
#include "sbuc/lp.hpp"
#include "sbuc/solver.hpp"
#include "sbuc/mps.hpp"
#include "sbuc/report.hpp"

#endif
