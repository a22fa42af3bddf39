#pragma once

#include "locbound/bounds.hpp"
#include "locbound/circuit.hpp"
#include "locbound/circuit_file.hpp"
#include "locbound/entropy.hpp"
#include "locbound/error.hpp"
#include "locbound/partition.hpp"
#include "locbound/qstate.hpp"
#include "locbound/random.hpp"
#include "locbound/separability.hpp"
#include "locbound/stabilizer.hpp"
#include "locbound/verify.hpp"
