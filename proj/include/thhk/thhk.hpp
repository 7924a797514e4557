#pragma once

// Umbrella header for the exact p-adic K-theory engine.

#include "thhk/padic.hpp"
#include "thhk/series.hpp"
#include "thhk/adams.hpp"
#include "thhk/rezk.hpp"
#include "thhk/thh.hpp"
#include "thhk/format.hpp"
