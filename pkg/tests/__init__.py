# Tests for gsp4obs
