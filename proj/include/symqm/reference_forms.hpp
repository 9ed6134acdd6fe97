#pragma once

#include "symqm/trace_algebra.hpp"

namespace symqm {

// Hand-transcribed closed forms of the basic lowering commutators, kept as
// independent oracles for the normal-ordering engine. Single-letter traces
// vanish (tracelessness) and tr(1) = N, applied during assembly.

// [(aa), (a+^len)]
TraceExpr comm_aa_single(int n, int len);

// [(aa), (a+^len)^m]
TraceExpr comm_aa_power(int n, int len, int m);

// [(a+^p a), (a+^m)^k]
TraceExpr comm_mixed_power(int n, int p, int m, int k);

}  // namespace symqm
