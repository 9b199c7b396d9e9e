#pragma once

#include "su11walk/angles.hpp"
#include "su11walk/coin.hpp"
#include "su11walk/errors.hpp"
#include "su11walk/fock_oracle.hpp"
#include "su11walk/frame.hpp"
#include "su11walk/gram.hpp"
#include "su11walk/observables.hpp"
#include "su11walk/su11_core.hpp"
#include "su11walk/trajectory.hpp"
#include "su11walk/walk.hpp"
