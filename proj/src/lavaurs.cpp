namespace cdyn { namespace { int placeholder_lavaurs = 0; } }
