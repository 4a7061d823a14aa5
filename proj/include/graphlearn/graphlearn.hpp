#pragma once

// Umbrella header for the graphlearn toolkit: interactive learning of a
// moving target on a graph, with adversarial noisy feedback, Markov-chain
// mistake analysis, and closed-form bound calculators.

#include "graphlearn/bounds.hpp"
#include "graphlearn/environment.hpp"
#include "graphlearn/errors.hpp"
#include "graphlearn/experiment.hpp"
#include "graphlearn/feedback_graph.hpp"
#include "graphlearn/learners.hpp"
#include "graphlearn/markov_chain.hpp"
#include "graphlearn/rng.hpp"
#include "graphlearn/transition_graph.hpp"
