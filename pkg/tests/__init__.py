from scrollrank import settings

settings.THREADS = 1  # table sweeps run in-process unless a test asks otherwise
