#pragma once

#include "syzygy/error.hpp"
#include "syzygy/matrix.hpp"
#include "syzygy/polynomial.hpp"
#include "syzygy/algebra.hpp"
#include "syzygy/quiver.hpp"
#include "syzygy/module.hpp"
#include "syzygy/tensor.hpp"
#include "syzygy/triangle.hpp"
#include "syzygy/krull_schmidt.hpp"
#include "syzygy/deloop.hpp"
