#pragma once

#include "address.hpp"
#include "derive.hpp"
#include "program.hpp"
#include "render.hpp"
#include "rewrite.hpp"
#include "sld.hpp"
#include "substitution.hpp"
#include "term.hpp"
#include "unify.hpp"
