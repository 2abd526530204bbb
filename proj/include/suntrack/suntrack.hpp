#pragma once

// Umbrella header for the whole library. Individual headers are fine to
// include on their own; serialize.hpp additionally pulls in nlohmann/json.

#include "suntrack/errors.hpp"
#include "suntrack/grid.hpp"
#include "suntrack/harness.hpp"
#include "suntrack/mec.hpp"
#include "suntrack/mtm.hpp"
#include "suntrack/oracle.hpp"
#include "suntrack/path.hpp"
#include "suntrack/synth.hpp"
