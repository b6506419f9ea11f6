namespace cdyn { namespace { int placeholder_config = 0; } }
