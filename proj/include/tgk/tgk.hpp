#pragma once

#include "tgk/scalar.hpp"
#include "tgk/chart.hpp"
#include "tgk/ring.hpp"
#include "tgk/parser.hpp"
#include "tgk/linalg.hpp"
#include "tgk/forms.hpp"
#include "tgk/chartmap.hpp"
#include "tgk/ringmatrix.hpp"
#include "tgk/genstruct.hpp"
#include "tgk/equivariant.hpp"
#include "tgk/reduction.hpp"
#include "tgk/scenario.hpp"
#include "tgk/runner.hpp"
#include "tgk/catalog.hpp"
#include "tgk/selftest.hpp"
