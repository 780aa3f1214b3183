#pragma once

#include "entswap/ensemble.hpp"
#include "entswap/errors.hpp"
#include "entswap/measures.hpp"
#include "entswap/phase_angle.hpp"
#include "entswap/protocol.hpp"
#include "entswap/qstate.hpp"
#include "entswap/rng.hpp"
