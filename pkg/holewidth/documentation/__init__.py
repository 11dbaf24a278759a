from .run_records import RunRecorder

__all__ = ['RunRecorder']
