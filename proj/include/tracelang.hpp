#pragma once

#include "tracelang/alphabet.hpp"
#include "tracelang/async.hpp"
#include "tracelang/boolcombo.hpp"
#include "tracelang/closure.hpp"
#include "tracelang/decompose.hpp"
#include "tracelang/dfa.hpp"
#include "tracelang/error.hpp"
#include "tracelang/fixtures.hpp"
#include "tracelang/io.hpp"
#include "tracelang/nfa.hpp"
#include "tracelang/omega.hpp"
#include "tracelang/oracle.hpp"
#include "tracelang/semigroup.hpp"
#include "tracelang/stability.hpp"
#include "tracelang/trace.hpp"
