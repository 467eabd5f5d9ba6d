#pragma once

#include "subfrac/analysis.hpp"
#include "subfrac/checks.hpp"
#include "subfrac/core.hpp"
#include "subfrac/io.hpp"
#include "subfrac/operators.hpp"
#include "subfrac/special.hpp"
#include "subfrac/version.hpp"
#include "subfrac/volterra.hpp"
