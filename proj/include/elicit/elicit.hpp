#pragma once

#include "borda.hpp"
#include "center.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "manipulation.hpp"
#include "oracle.hpp"
#include "preflib.hpp"
#include "prefs.hpp"
#include "voter.hpp"
