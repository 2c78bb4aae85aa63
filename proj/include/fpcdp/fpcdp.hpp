#pragma once

#include "fpcdp/term.hpp"
#include "fpcdp/substitution.hpp"
#include "fpcdp/rewriting.hpp"
#include "fpcdp/patterns.hpp"
#include "fpcdp/explore.hpp"
#include "fpcdp/cdp.hpp"
#include "fpcdp/graph.hpp"
#include "fpcdp/polynomial.hpp"
#include "fpcdp/processors.hpp"
#include "fpcdp/synthesis.hpp"
#include "fpcdp/io.hpp"
#include "fpcdp/trace.hpp"
