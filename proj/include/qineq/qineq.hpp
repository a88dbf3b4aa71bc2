#pragma once

#include "series.hpp"
#include "partitions.hpp"
#include "injection.hpp"
#include "verify.hpp"
#include "format.hpp"
