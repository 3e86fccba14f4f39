#pragma once

#include "cuspbend/bending.hpp"
#include "cuspbend/cusp_classify.hpp"
#include "cuspbend/cusp_models.hpp"
#include "cuspbend/hilbert.hpp"
#include "cuspbend/json_io.hpp"
#include "cuspbend/parallel.hpp"
#include "cuspbend/projlin.hpp"
#include "cuspbend/scalar.hpp"
