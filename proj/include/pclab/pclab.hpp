#pragma once

#include "pclab/acceptance.hpp"
#include "pclab/bubbling.hpp"
#include "pclab/cgdbar.hpp"
#include "pclab/core.hpp"
#include "pclab/diskgrid.hpp"
#include "pclab/gromovop.hpp"
#include "pclab/hypmod.hpp"
#include "pclab/invariants.hpp"
#include "pclab/jdisk.hpp"
#include "pclab/lincx.hpp"
