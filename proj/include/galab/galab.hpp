#pragma once

#include "galab/autolab.hpp"
#include "galab/conv.hpp"
#include "galab/errors.hpp"
#include "galab/group.hpp"
#include "galab/io.hpp"
#include "galab/linalg.hpp"
#include "galab/locality.hpp"
#include "galab/repr.hpp"
#include "galab/rng.hpp"
#include "galab/scenarios.hpp"
