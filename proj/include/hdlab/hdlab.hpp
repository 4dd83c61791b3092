#pragma once

// Umbrella header for the whole lab.

#include "hdlab/base_matrix.hpp"
#include "hdlab/bits.hpp"
#include "hdlab/codes.hpp"
#include "hdlab/compose.hpp"
#include "hdlab/cost.hpp"
#include "hdlab/count_unequal.hpp"
#include "hdlab/delta.hpp"
#include "hdlab/dist1.hpp"
#include "hdlab/equality.hpp"
#include "hdlab/errors.hpp"
#include "hdlab/fcode_search.hpp"
#include "hdlab/gap_hd.hpp"
#include "hdlab/hd44.hpp"
#include "hdlab/io.hpp"
#include "hdlab/make_code.hpp"
#include "hdlab/oracle.hpp"
#include "hdlab/oracle_protocols.hpp"
#include "hdlab/padding.hpp"
#include "hdlab/protocol.hpp"
#include "hdlab/protocol4.hpp"
#include "hdlab/random.hpp"
#include "hdlab/sidon.hpp"
#include "hdlab/sunflower.hpp"
#include "hdlab/tandem.hpp"
#include "hdlab/virtual_string.hpp"
