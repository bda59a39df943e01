#pragma once

#include "tanglekit/fonts.hpp"
#include "tanglekit/invariants.hpp"
#include "tanglekit/io.hpp"
#include "tanglekit/state.hpp"
#include "tanglekit/transpose.hpp"
#include "tanglekit/verify.hpp"
