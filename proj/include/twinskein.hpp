#pragma once

#include "twinskein/laurent.hpp"
#include "twinskein/diagram.hpp"
#include "twinskein/moves.hpp"
#include "twinskein/skein.hpp"
#include "twinskein/classical.hpp"
#include "twinskein/constructions.hpp"
#include "twinskein/alexander.hpp"
