#ifndef VOTEELICIT_VOTEELICIT_HPP
#define VOTEELICIT_VOTEELICIT_HPP

#include "voteelicit/core.hpp"
#include "voteelicit/election_io.hpp"
#include "voteelicit/elicit.hpp"
#include "voteelicit/errors.hpp"
#include "voteelicit/reductions.hpp"
#include "voteelicit/strategy.hpp"
#include "voteelicit/termination.hpp"
#include "voteelicit/trees.hpp"

#endif // VOTEELICIT_VOTEELICIT_HPP
