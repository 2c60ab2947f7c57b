#pragma once

#include "cesaro/asymptotics.hpp"
#include "cesaro/classifier.hpp"
#include "cesaro/config.hpp"
#include "cesaro/error.hpp"
#include "cesaro/linalg_core.hpp"
#include "cesaro/parallel.hpp"
#include "cesaro/random.hpp"
#include "cesaro/shift_lab.hpp"
#include "cesaro/synthesis.hpp"
