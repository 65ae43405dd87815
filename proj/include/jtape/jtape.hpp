#pragma once

// Umbrella header: expression templates, tapes and calculation types.

#include "active_real.hpp"
#include "binary_expressions.hpp"
#include "chunk.hpp"
#include "data_stream.hpp"
#include "diagnostics.hpp"
#include "expression.hpp"
#include "external_function.hpp"
#include "forward_tape.hpp"
#include "index_managers.hpp"
#include "jacobi_tape.hpp"
#include "operation_catalog.hpp"
#include "real_traits.hpp"
#include "tape_config.hpp"
#include "tape_statistics.hpp"
#include "types.hpp"
#include "unary_expressions.hpp"
