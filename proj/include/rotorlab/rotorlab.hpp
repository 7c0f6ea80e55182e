#ifndef ROTORLAB_ROTORLAB_HPP
#define ROTORLAB_ROTORLAB_HPP

#include "number.hpp"
#include "map.hpp"
#include "geometry.hpp"
#include "vertices.hpp"
#include "return_map.hpp"
#include "areas.hpp"
#include "interval.hpp"
#include "expansions.hpp"
#include "parallel.hpp"
#include "portrait.hpp"
#include "render.hpp"
#include "acceptance.hpp"

#endif
