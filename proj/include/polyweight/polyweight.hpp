#pragma once

#include "polyweight/errors.hpp"
#include "polyweight/matrix.hpp"
#include "polyweight/measures.hpp"
#include "polyweight/multipartite.hpp"
#include "polyweight/polygamy.hpp"
#include "polyweight/states.hpp"
#include "polyweight/verify.hpp"
