#pragma once

#include "aprec/ap/density.hpp"
#include "aprec/ap/hit_set.hpp"
#include "aprec/ap/progressions.hpp"
#include "aprec/ap/szemeredi.hpp"
#include "aprec/errors.hpp"
#include "aprec/gowers/gowers.hpp"
#include "aprec/lab/criterion.hpp"
#include "aprec/lab/inverse.hpp"
#include "aprec/lab/kitai.hpp"
#include "aprec/lab/multirec.hpp"
#include "aprec/lab/nested.hpp"
#include "aprec/lab/pair_search.hpp"
#include "aprec/lab/puig.hpp"
#include "aprec/lab/return_set.hpp"
#include "aprec/lab/transform.hpp"
#include "aprec/lab/universal.hpp"
#include "aprec/lab/witness.hpp"
#include "aprec/rational.hpp"
#include "aprec/seq/operator.hpp"
#include "aprec/seq/scalars.hpp"
#include "aprec/seq/space.hpp"
#include "aprec/seq/vector.hpp"
#include "aprec/seq/weights.hpp"
