#pragma once

#include "wordprint/cache.hpp"
#include "wordprint/census.hpp"
#include "wordprint/errors.hpp"
#include "wordprint/morphisms.hpp"
#include "wordprint/parikh.hpp"
#include "wordprint/pnf.hpp"
#include "wordprint/render.hpp"
#include "wordprint/rewriting.hpp"
#include "wordprint/words.hpp"
