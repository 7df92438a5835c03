#pragma once

// Core library. JSON helpers live separately in <kacdepth/io.hpp>.

#include <kacdepth/errors.hpp>
#include <kacdepth/rational.hpp>
#include <kacdepth/laurent_poly.hpp>
#include <kacdepth/rat_func.hpp>
#include <kacdepth/tseries.hpp>
#include <kacdepth/plethysm.hpp>
#include <kacdepth/quiver.hpp>
#include <kacdepth/finite_ring.hpp>
#include <kacdepth/kac_toric.hpp>
#include <kacdepth/order_complex.hpp>
#include <kacdepth/moment.hpp>
#include <kacdepth/rank_engine.hpp>
