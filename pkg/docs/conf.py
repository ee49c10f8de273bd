from documenteer.conf.guide import *
