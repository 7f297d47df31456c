#pragma once

#include "defring/error.hpp"
#include "defring/field.hpp"
#include "defring/matrix.hpp"
#include "defring/group.hpp"
#include "defring/upoly.hpp"
#include "defring/charpoly.hpp"
#include "defring/poly.hpp"
#include "defring/gmodule.hpp"
#include "defring/meataxe.hpp"
#include "defring/clifford.hpp"
#include "defring/cohom.hpp"
#include "defring/pseudochar.hpp"
#include "defring/genmatrix.hpp"
#include "defring/dimension.hpp"
#include "defring/components.hpp"
#include "defring/corpus.hpp"
#include "defring/report.hpp"
