#pragma once

#include "qharm/errors.hpp"
#include "qharm/summation.hpp"
#include "qharm/qseries.hpp"
#include "qharm/params.hpp"
#include "qharm/bessel.hpp"
#include "qharm/lattice.hpp"
#include "qharm/transform.hpp"
#include "qharm/operators.hpp"
#include "qharm/positivity.hpp"
#include "qharm/measure.hpp"
#include "qharm/csv.hpp"
#include "qharm/verify.hpp"
