// Umbrella header for the fringe library.
#pragma once

#include "fringe/channel.hpp"
#include "fringe/coherence.hpp"
#include "fringe/error.hpp"
#include "fringe/interferometer.hpp"
#include "fringe/io.hpp"
#include "fringe/linalg.hpp"
#include "fringe/version.hpp"
