#pragma once

#include "bck.hpp"
#include "coalgebra.hpp"
#include "error.hpp"
#include "family.hpp"
#include "forest.hpp"
#include "functional.hpp"
#include "incidence.hpp"
#include "linear.hpp"
#include "mobius.hpp"
#include "operadic.hpp"
#include "rational.hpp"
#include "renorm.hpp"
#include "rota_baxter.hpp"
#include "rules.hpp"
#include "series.hpp"
