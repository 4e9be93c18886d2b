#pragma once

#include "baslab/glue/algebra.hpp"
#include "baslab/glue/builtin.hpp"
#include "baslab/glue/comonad.hpp"
#include "baslab/glue/functors.hpp"
#include "baslab/glue/io.hpp"
#include "baslab/glue/module.hpp"
#include "baslab/glue/resolution.hpp"
