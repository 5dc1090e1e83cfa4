#pragma once

#include "hesslab/errors.hpp"
#include "hesslab/int_matrix.hpp"
#include "hesslab/poly.hpp"
#include "hesslab/lattice.hpp"
#include "hesslab/hessenberg.hpp"
#include "hesslab/mdchar.hpp"
#include "hesslab/number_field.hpp"
#include "hesslab/sail3.hpp"
#include "hesslab/reducedness.hpp"
#include "hesslab/gauss2.hpp"
#include "hesslab/atlas.hpp"
#include "hesslab/config.hpp"
#include "hesslab/json_io.hpp"
