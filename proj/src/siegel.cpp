namespace cdyn { namespace { int placeholder_siegel = 0; } }
