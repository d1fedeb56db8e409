#pragma once

#include "freudlab/bigreal.hpp"
#include "freudlab/catalog.hpp"
#include "freudlab/confinement.hpp"
#include "freudlab/dpainleve.hpp"
#include "freudlab/errors.hpp"
#include "freudlab/lab.hpp"
#include "freudlab/laurent.hpp"
#include "freudlab/maps.hpp"
#include "freudlab/mpnum.hpp"
#include "freudlab/oracle.hpp"
#include "freudlab/ratfunc.hpp"
#include "freudlab/rational.hpp"
#include "freudlab/weights.hpp"
