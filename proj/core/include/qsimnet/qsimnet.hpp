#pragma once

#include "qsimnet/circuit_sim.hpp"
#include "qsimnet/error.hpp"
#include "qsimnet/netlist.hpp"
#include "qsimnet/pauli.hpp"
#include "qsimnet/quantum.hpp"
#include "qsimnet/realify.hpp"
#include "qsimnet/signal.hpp"
#include "qsimnet/synthesis.hpp"
#include "qsimnet/types.hpp"
#include "qsimnet/verify.hpp"
