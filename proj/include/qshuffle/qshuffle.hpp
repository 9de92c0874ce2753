#pragma once

#include "qshuffle/closure.hpp"
#include "qshuffle/game.hpp"
#include "qshuffle/json_io.hpp"
#include "qshuffle/parse.hpp"
#include "qshuffle/random.hpp"
#include "qshuffle/rewrite.hpp"
#include "qshuffle/sequence.hpp"
#include "qshuffle/term.hpp"
