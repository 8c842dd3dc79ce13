#pragma once

#include "geolorentz/config.hpp"
#include "geolorentz/dynamics.hpp"
#include "geolorentz/error.hpp"
#include "geolorentz/fields.hpp"
#include "geolorentz/frames.hpp"
#include "geolorentz/lie.hpp"
#include "geolorentz/minkowski.hpp"
#include "geolorentz/scenario.hpp"
#include "geolorentz/verify.hpp"
