#pragma once

#include "error.hpp"
#include "numlin.hpp"
#include "frames.hpp"
#include "groupframes.hpp"
#include "lattice.hpp"
#include "cutproject.hpp"
#include "quantize.hpp"
