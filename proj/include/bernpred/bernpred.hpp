#pragma once

// One-step-ahead Bernoulli prediction under Kullback-Leibler loss:
// risk analysis, the complete-class and dominance machinery, the minimax
// rule, minimax priors, and the latent information prior. All values are
// in nats.

#include "bernpred/bayes.hpp"
#include "bernpred/classes.hpp"
#include "bernpred/core.hpp"
#include "bernpred/extreal.hpp"
#include "bernpred/lip.hpp"
#include "bernpred/minimax.hpp"
#include "bernpred/risk.hpp"
#include "bernpred/sampling.hpp"
#include "bernpred/simplex.hpp"
#include "bernpred/verify.hpp"
