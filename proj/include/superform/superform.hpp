#pragma once

#include "superform/calibration.hpp"
#include "superform/cli.hpp"
#include "superform/error.hpp"
#include "superform/integration.hpp"
#include "superform/io.hpp"
#include "superform/monge_ampere.hpp"
#include "superform/polyhedra.hpp"
#include "superform/polynomial.hpp"
#include "superform/rational.hpp"
#include "superform/superforms.hpp"
