#include "doctest.h"

