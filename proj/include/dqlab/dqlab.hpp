#pragma once

#include "dqlab/adversary.hpp"
#include "dqlab/algorithms/auction.hpp"
#include "dqlab/algorithms/augmenting_path.hpp"
#include "dqlab/algorithms/certificate.hpp"
#include "dqlab/algorithms/exact.hpp"
#include "dqlab/algorithms/greedy.hpp"
#include "dqlab/algorithms/parallel.hpp"
#include "dqlab/errors.hpp"
#include "dqlab/graph.hpp"
#include "dqlab/harness/experiment.hpp"
#include "dqlab/harness/generators.hpp"
#include "dqlab/harness/or_drivers.hpp"
#include "dqlab/oracle.hpp"
#include "dqlab/reference.hpp"
#include "dqlab/transcript.hpp"
