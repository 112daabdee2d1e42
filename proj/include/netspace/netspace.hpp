#ifndef NETSPACE_NETSPACE_HPP
#define NETSPACE_NETSPACE_HPP

// Umbrella header: the whole laboratory in one include.

#include "netspace/activation.hpp"
#include "netspace/canonical.hpp"
#include "netspace/domain.hpp"
#include "netspace/errors.hpp"
#include "netspace/fn.hpp"
#include "netspace/identity.hpp"
#include "netspace/instability.hpp"
#include "netspace/json_io.hpp"
#include "netspace/matrix.hpp"
#include "netspace/network.hpp"
#include "netspace/ops.hpp"
#include "netspace/probes.hpp"
#include "netspace/report.hpp"
#include "netspace/rng.hpp"
#include "netspace/training.hpp"
#include "netspace/witness.hpp"

#endif  // NETSPACE_NETSPACE_HPP
