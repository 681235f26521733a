#pragma once

#include "concordia/config.hpp"
#include "concordia/cover.hpp"
#include "concordia/dcalc.hpp"
#include "concordia/error.hpp"
#include "concordia/group.hpp"
#include "concordia/knot_expr.hpp"
#include "concordia/linkform.hpp"
#include "concordia/obstruct.hpp"
#include "concordia/rational.hpp"
#include "concordia/report.hpp"
#include "concordia/subgroup.hpp"
