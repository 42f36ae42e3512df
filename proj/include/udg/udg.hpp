#pragma once

#include "udg/algorithms.hpp"
#include "udg/core.hpp"
#include "udg/errors.hpp"
#include "udg/instances.hpp"
#include "udg/oracle.hpp"
#include "udg/rng.hpp"
#include "udg/spatial.hpp"
