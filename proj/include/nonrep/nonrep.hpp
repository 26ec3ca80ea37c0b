#ifndef NONREP_NONREP_HPP
#define NONREP_NONREP_HPP

#include "nonrep/bounds.hpp"
#include "nonrep/codec.hpp"
#include "nonrep/engine.hpp"
#include "nonrep/error.hpp"
#include "nonrep/graph.hpp"
#include "nonrep/io.hpp"
#include "nonrep/pathwidth.hpp"
#include "nonrep/probabilistic.hpp"
#include "nonrep/strategies.hpp"
#include "nonrep/verify.hpp"

#endif
