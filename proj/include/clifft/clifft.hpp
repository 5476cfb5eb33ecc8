#pragma once

#include "clifft/rational.hpp"
#include "clifft/clifford.hpp"
#include "clifft/special_functions.hpp"
#include "clifft/report.hpp"
#include "clifft/kernels.hpp"
#include "clifft/io.hpp"
#include "clifft/series.hpp"
#include "clifft/monogenic.hpp"
#include "clifft/quadrature.hpp"
#include "clifft/transform.hpp"
