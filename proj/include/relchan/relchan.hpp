#pragma once

#include "relchan/minkowski.hpp"
#include "relchan/random.hpp"
#include "relchan/poincare_algebra.hpp"
#include "relchan/fock_sector.hpp"
#include "relchan/poincare_rep.hpp"
#include "relchan/kernels.hpp"
#include "relchan/channel.hpp"
#include "relchan/dilation.hpp"
#include "relchan/constraint_solver.hpp"
#include "relchan/observables.hpp"
#include "relchan/covariant_form.hpp"
#include "relchan/io.hpp"
#include "relchan/scenario.hpp"
