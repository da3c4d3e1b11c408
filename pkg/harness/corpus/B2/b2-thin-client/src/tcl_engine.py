import tcl_engine_core
import tcl_engine_codegen
import tcl_engine_io

plan = tcl_engine_core.plan
